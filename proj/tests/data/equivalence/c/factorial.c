#include <stdio.h>
#include <stdlib.h>

long long fact(int n) {
    if (n <= 1)
        return 1;
    return n * fact(n - 1);
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int n = abs(a) % 20;
    long long f = fact(n);
    long long g = 1;
    for (int i = 2; i <= n; i++) {
        g = g * i;
    }
    printf("%d! = %lld %d\n", n, f, f == g);
    return 0;
}
