"""
Selection pressure on a lone front-runner
=========================================

Ten thousand members spread evenly over the fitness levels 50..70, plus a
single member at 73. How often does each scheme pick that one member?
"""

import numpy as np

from fussga import Individual, Population, SelectionScheme, selection_probabilities

fitness = [50 + i % 21 for i in range(10_000)] + [73]
pop = Population(Individual(i, f) for i, f in enumerate(fitness))

# exact probabilities, no sampling involved
for label in ["fussint", "fuss", "tour2", "tour5", "tour15", "rand"]:
    p = selection_probabilities(pop, SelectionScheme.parse(label))
    print(f"{label:>8}: lone member {p[-1]:.5f}   level 70 total {p[np.array(fitness) == 70].sum():.4f}")

# levels 71 and 72 are empty, so under integer FUSS the lone member also
# collects the draws that land on 72: 2 of the 24 levels between 50 and 73
print("2/24 =", 2 / 24)
