# coding: utf-8

# # Permutations that differ by more than one somewhere
#
# Two permutations of 1..n are compatible here if at some position their
# entries differ by at least 2. We build the largest known family by the
# insert-and-shift recursion and check it against brute force.

# In[1]:

import math

import numpy as np

from gdperm import construct_theorem1, verify_family
from gdperm.distance_sets import PATH, ComplementOf
from gdperm.solver import solve_T

D = ComplementOf(PATH)


# Sizes follow n! / 2^floor(n/2).

# In[2]:

for n in range(1, 9):
    F = construct_theorem1(n)
    print(n, len(F), math.factorial(n) // 2 ** (n // 2))


# The n = 4 family, row by row. Every pair has some column where the
# entries are at least 2 apart.

# In[3]:

F4 = construct_theorem1(4)
print(F4.members)
diff = np.abs(F4.members[:, None, :] - F4.members[None, :, :])
print((diff >= 2).any(axis=2).astype(int))


# Exhaustive verification uses bitsets, so n = 8 (2520 members) is instant.

# In[4]:

print(verify_family(construct_theorem1(8), D, mode="exhaustive"))


# The exact solver agrees up to n = 5: no larger family exists.

# In[5]:

for n in range(1, 6):
    res = solve_T(n, D)
    print(n, res.clique_size, res.exact, res.bound_source)
