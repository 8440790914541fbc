#include <iostream>
#include <vector>

int a = 3;
int b = 4;
int s = 7;

int main() {
    //
    // Affiche la somme des entiers a et b
    //
    s = a + b;
    std::cout << "Valeur de la somme de a et b " << s << std::endl;
    return 0;
}
