#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int limit = abs(a * 7 + b) % 200 + 10;
    char composite[256] = {0};
    int count = 0;
    for (int p = 2; p <= limit; p++) {
        if (!composite[p]) {
            count++;
            for (int q = p * p; q <= limit; q += p) {
                composite[q] = 1;
            }
        }
    }
    printf("primes<=%d: %d\n", limit, count);
    return 0;
}
