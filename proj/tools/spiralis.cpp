// CLI front end; subcommands are wired up as the library lands.
#include <cstdio>

int main() {
    std::puts("spiralis: not yet wired");
    return 0;
}
