#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int n = abs(a) % 40 + 2;
    long long prev = 0;
    long long cur = 1;
    int i = 2;
    while (i <= n) {
        long long next = prev + cur;
        prev = cur;
        cur = next;
        i++;
    }
    long long sum = 0;
    for (int k = 0; k < n; k++) {
        sum += k * k;
    }
    printf("fib(%d)=%lld squares=%lld\n", n, cur, sum);
    return 0;
}
