#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    long long n = abs(a) + abs(c) + 1;
    int steps = 0;
    long long peak = n;
    while (n != 1) {
        if (n % 2 == 0) {
            n = n / 2;
        } else {
            n = 3 * n + 1;
        }
        steps++;
        if (n > peak)
            peak = n;
    }
    printf("steps=%d peak=%lld\n", steps, peak);
    return 0;
}
