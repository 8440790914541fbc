# Macro Add
#
# Affiche la somme des entiers a et b
#
# Code
s = a + b
print("Valeur de la somme de a et b " + str(s))
#
