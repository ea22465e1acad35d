#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int n = abs(a) % 10 + 1;
    int count = 0;
    int acc = 1;
    do {
        acc = acc * 3 % 1000;
        count++;
    } while (count < n);
    int k = 0;
    int total = 0;
    while (1) {
        total += k;
        if (k >= abs(b) % 9)
            break;
        k++;
    }
    printf("%d %d %d\n", acc, count, total);
    return 0;
}
