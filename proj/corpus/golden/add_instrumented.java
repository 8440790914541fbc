import java.util.Scanner;

public class Program {
    static Scanner in = new Scanner(System.in);
    static int a = 3;
    static int b = 4;
    static int s = 7;

    // Macro Add
    //
    // Affiche la somme des entiers a et b
    //
    static void Add() {
        // Code
        s = a + b;
        System.out.println("Valeur de la somme de a et b " + s);
        //
    }

    public static void main(String[] args) {
        Add();
    }
}
