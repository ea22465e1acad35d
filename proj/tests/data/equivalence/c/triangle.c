#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int rows = abs(a) % 6 + 1;
    int stars = 0;
    for (int r = 1; r <= rows; r++) {
        for (int k = 0; k < r; k++) {
            if (k % 2 == 1) {
                putchar('.');
                continue;
            }
            putchar('*');
            stars++;
        }
        putchar('\n');
    }
    printf("%d\n", stars);
    return 0;
}
