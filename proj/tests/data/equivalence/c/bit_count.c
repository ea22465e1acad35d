#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    unsigned v = (unsigned)a ^ ((unsigned)b << 3);
    int ones = 0;
    unsigned bits = v;
    for (int i = 0; i < 32; i++) {
        if (bits & 1u)
            ones++;
        bits = bits >> 1;
    }
    unsigned mask = 0;
    mask |= 1u << (abs(a) % 31);
    mask |= 4u;
    printf("%u %d %u\n", v, ones, mask);
    return 0;
}
