#include <stdio.h>
#include <stdlib.h>

void accumulate(int *total, int value) {
    *total += value;
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int total = 0;
    int *p = &total;
    int extra = 5;
    total = a;
    extra = b;
    accumulate(p, extra);
    *p = *p * 2;
    int copy = total;
    printf("%d %d %d\n", total, extra, copy);
    return 0;
}
