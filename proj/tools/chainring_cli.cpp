// chainring CLI -- placeholder while the library core is under construction.
#include <cstdio>

int main() {
    std::puts("chainring: command surface not wired up yet");
    return 2;
}
