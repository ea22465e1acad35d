#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int bins[5] = {0, 0, 0, 0, 0};
    int x = abs(a) + 1;
    int y = abs(b) + 3;
    for (int i = 0; i < 40; i++) {
        x = (x * 17 + y) % 97;
        bins[x % 5]++;
    }
    for (int i = 0; i < 5; i++)
        printf("%d: %d\n", i, bins[i]);
    return 0;
}
