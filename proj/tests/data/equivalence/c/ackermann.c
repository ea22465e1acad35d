#include <stdio.h>
#include <stdlib.h>

int ack(int m, int n) {
    if (m == 0)
        return n + 1;
    if (n == 0)
        return ack(m - 1, 1);
    return ack(m - 1, ack(m, n - 1));
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int m = abs(a) % 3;
    int n = abs(b) % 4;
    printf("ack(%d,%d)=%d\n", m, n, ack(m, n));
    return 0;
}
