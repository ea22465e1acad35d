#include <stdio.h>
#include <stdlib.h>

long long modpow(long long base, long long exp, long long mod) {
    long long result = 1;
    base = base % mod;
    while (exp > 0) {
        if (exp & 1)
            result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    long long base = abs(a) + 2;
    long long exp = abs(b) + 1;
    long long mod = abs(c) + 5;
    printf("%lld\n", modpow(base, exp, mod));
    return 0;
}
