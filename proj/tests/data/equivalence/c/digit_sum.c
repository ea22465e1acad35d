#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int n = abs(a * 1000 + b * 37);
    int sum = 0;
    int digits = 0;
    int rev = 0;
    while (n > 0) {
        int d = n % 10;
        sum += d;
        rev = rev * 10 + d;
        digits++;
        n /= 10;
    }
    printf("%d %d %d\n", sum, digits, rev);
    return 0;
}
