#include <stdio.h>
#include <stdlib.h>

int gcd(int x, int y) {
    while (y != 0) {
        int r = x % y;
        x = y;
        y = r;
    }
    return x;
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int x = abs(a) + 1;
    int y = abs(b) + 2;
    int z = abs(c) + 3;
    int g = gcd(x * z, y * z);
    int l = x / gcd(x, y) * y;
    printf("gcd=%d lcm=%d\n", g, l);
    return 0;
}
