# Macro InsereElt
# Initialisation
k = i
j = i - 1
# Conditions de sortie :
# Sortir si j < 0
# Sortir si t[j] <= t[k]
#
while (j >= 0 and t[j] > t[k]) :
# Corps de boucle
    tmp = t[k]
    t[k] = t[j]
    t[j] = tmp
    j = j - 1
    k = k - 1
# Terminaison
#
