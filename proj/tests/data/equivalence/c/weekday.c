#include <stdio.h>
#include <stdlib.h>

const char *name(int d) {
    const char *s;
    switch (d) {
    case 0:
        s = "Sun";
        break;
    case 1:
        s = "Mon";
        break;
    case 2:
        s = "Tue";
        break;
    default:
        s = "Late";
        break;
    }
    return s;
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    for (int i = 0; i < 4; i++) {
        int d = abs(a + b * i) % 7;
        printf("%d %s\n", i, name(d));
    }
    return 0;
}
