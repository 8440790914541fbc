#include <iostream>
#include <vector>

int a = 3;
int b = 4;
int s = 7;

void Add();

// Macro Add
//
// Affiche la somme des entiers a et b
//
void Add() {
    // Code
    s = a + b;
    std::cout << "Valeur de la somme de a et b " << s << std::endl;
    //
}

int main() {
    Add();
    return 0;
}
