#
# Affiche la somme des entiers a et b
#
s = a + b
print("Valeur de la somme de a et b " + str(s))
