# 
# Effectue le tri par insertion
# 
i = 1 
while (i < len(t)) :
    # -> InsereElt: Insère t[i] dans la partie triée de t de 0 à i-1
    k = i 
    j = i - 1 
    while (j >= 0 and t[j] > t[k]) :
        tmp = t[k] 
        t[k] = t[j] 
        t[j] = tmp 
        j = j - 1 
        k = k - 1 
    # <- InsereElt
    i = i + 1 
