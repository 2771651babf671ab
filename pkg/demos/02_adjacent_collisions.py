# coding: utf-8

# # Families where every pair collides at distance one
#
# Flip the requirement: now any two permutations must have some position
# where their entries differ by exactly 1. Small exact values come from the
# clique solver and are compared with the middle binomial coefficient.

# In[1]:

import math

from gdperm.distance_sets import EVENS, PATH
from gdperm.solver import path_family, solve_T

for n in range(1, 6):
    res = solve_T(n, PATH)
    ref = math.comb(n, n // 2)
    print(f"n={n}  T={res.clique_size}  C(n,n/2)={ref}  exact={res.exact}")


# One optimal witness at n = 4.

# In[2]:

for row in path_family(4):
    print(row)


# At n = 6 and 7 the first coloring bound already matches the greedy clique,
# so even a 50-node budget proves optimality.

# In[3]:

for n in (6, 7):
    res = solve_T(n, PATH, max_nodes=50)
    print(n, res.clique_size, res.proof_bound, res.exact)


# Even distances are harder. The same budget leaves a gap between the best
# clique found and the bound the search could not close.

# In[4]:

res = solve_T(6, EVENS, max_nodes=50)
print(res.clique_size, res.proof_bound, res.exact)
