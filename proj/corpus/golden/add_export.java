import java.util.Scanner;

public class Program {
    static Scanner in = new Scanner(System.in);
    static int a = 3;
    static int b = 4;
    static int s = 7;

    public static void main(String[] args) {
        //
        // Affiche la somme des entiers a et b
        //
        s = a + b;
        System.out.println("Valeur de la somme de a et b " + s);
    }
}
