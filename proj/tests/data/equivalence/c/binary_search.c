#include <stdio.h>
#include <stdlib.h>

int search(const int *data, int len, int key) {
    int lo = 0;
    int hi = len - 1;
    while (lo <= hi) {
        int mid = (lo + hi) / 2;
        if (data[mid] == key)
            return mid;
        else if (data[mid] < key)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return -1;
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int data[20];
    for (int i = 0; i < 20; i++) {
        data[i] = i * 3 + 1;
    }
    printf("%d\n", search(data, 20, a));
    printf("%d\n", search(data, 20, b * 3 + 1));
    return 0;
}
