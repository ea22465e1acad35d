#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    int shift = abs(a) % 26;
    const char *text = "transformcode";
    char out[32];
    int i = 0;
    while (text[i] != '\0') {
        int idx = text[i] - 'a';
        idx = (idx + shift) % 26;
        out[i] = (char)('a' + idx);
        i++;
    }
    out[i] = '\0';
    printf("%s\n", out);
    return 0;
}
