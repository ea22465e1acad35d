#include <stdio.h>
#include <stdlib.h>

int is_palindrome(int v) {
    int original = v;
    int reversed = 0;
    while (v > 0) {
        reversed = reversed * 10 + v % 10;
        v = v / 10;
    }
    return original == reversed;
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int start = abs(a) * 3;
    int found = 0;
    for (int v = start; v < start + 150; v++) {
        if (is_palindrome(v))
            found++;
    }
    printf("palindromes: %d\n", found);
    return 0;
}
