#include <stdio.h>

int a = 3;
int b = 4;
int s = 7;

void Add(void);

// Macro Add
//
// Affiche la somme des entiers a et b
//
void Add(void) {
    // Code
    s = a + b;
    printf("%s%d\n", "Valeur de la somme de a et b ", s);
    //
}

int main(void) {
    Add();
    return 0;
}
