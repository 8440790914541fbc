#include <stdio.h>

int a = 3;
int b = 4;
int s = 7;

int main(void) {
    //
    // Affiche la somme des entiers a et b
    //
    s = a + b;
    printf("%s%d\n", "Valeur de la somme de a et b ", s);
    return 0;
}
