#include <cstdio>

int main() {
    std::puts("lcorpp: subcommands not wired up yet");
    return 0;
}
