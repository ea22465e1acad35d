#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int data[9];
    for (int i = 0; i < 9; i++) {
        data[i] = abs(i * b + c * 13) % 23;
    }
    for (int i = 1; i < 9; i++) {
        int key = data[i];
        int j = i - 1;
        while (j >= 0 && data[j] > key) {
            data[j + 1] = data[j];
            j = j - 1;
        }
        data[j + 1] = key;
    }
    for (int i = 0; i < 9; i++)
        printf("%d,", data[i]);
    printf("\n");
    return 0;
}
