#include <stdio.h>
#include <stdlib.h>
#include <string.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int n = abs(a) % 8 + 2;
    char word[16];
    char rev[16];
    for (int i = 0; i < n; i++) {
        word[i] = (char)('a' + (i * 5 + abs(a)) % 26);
    }
    word[n] = '\0';
    int len = (int)strlen(word);
    for (int i = 0; i < len; i++) {
        rev[len - 1 - i] = word[i];
    }
    rev[len] = '\0';
    printf("%s -> %s\n", word, rev);
    return 0;
}
