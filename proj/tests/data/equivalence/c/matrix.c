#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int x[3][3], y[3][3], z[3][3];
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            x[i][j] = a + i - j;
            y[i][j] = b * j + i;
        }
    }
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            int s = 0;
            for (int k = 0; k < 3; k++)
                s += x[i][k] * y[k][j];
            z[i][j] = s;
        }
    }
    for (int i = 0; i < 3; i++)
        printf("%d %d %d\n", z[i][0], z[i][1], z[i][2]);
    return 0;
}
