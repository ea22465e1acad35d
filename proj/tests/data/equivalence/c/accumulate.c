#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    double x = a;
    double y = b + 0.5;
    long z = c;
    x += y;
    y *= 2;
    z -= a;
    x = x * 1.5;
    z = z + b;
    y = y - x;
    z *= 3;
    int w = 7;
    w += 2;
    w -= c;
    printf("%.4f %.4f %ld %d\n", x, y, z, w);
    return 0;
}
