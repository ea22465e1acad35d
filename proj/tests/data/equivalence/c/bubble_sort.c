#include <stdio.h>
#include <stdlib.h>

void bubble_sort(int *arr, int n) {
    int temp = 0;
    for (int i = 0; i < n; i++) {
        for (int j = 1; j < (n - i); j++) {
            if (arr[j - 1] > arr[j]) {
                /* swap */
                temp = arr[j - 1];
                arr[j - 1] = arr[j];
                arr[j] = temp;
            }
        }
    }
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int n = abs(a) % 12 + 3;
    int arr[16];
    int seed = b + c;
    for (int i = 0; i < n; i++) {
        seed = (seed * 31 + 7) % 101;
        arr[i] = seed - 50;
    }
    bubble_sort(arr, n);
    for (int i = 0; i < n; i++) {
        printf("%d ", arr[i]);
    }
    printf("\n");
    return 0;
}
