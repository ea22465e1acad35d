#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int v[6] = {a, b, c, a - b, b - c, c * 2};
    int max = v[0];
    int min = v[0];
    int total = 0;
    for (int i = 0; i < 6; i++) {
        if (v[i] > max)
            max = v[i];
        if (v[i] < min)
            min = v[i];
        total += v[i];
    }
    double mean = total / 6.0;
    printf("%d %d %.3f\n", min, max, mean);
    return 0;
}
