# coding: utf-8

# # Distance sets defined by the 2-adic valuation
#
# For n a power of 4, values 0..n-1 split into sqrt(n) groups by their odd
# binary digits. Permuting inside groups gives a family for E, and the same
# family certifies an upper bound for the complement of E.

# In[1]:

import math

from gdperm import bounds
from gdperm.constructions import construct_valuation, valuation_groups
from gdperm.distance_sets import E_SET, ComplementOf
from gdperm.perm_core import verify_strong_certificate

print(valuation_groups(16, 1, 2))


# 331776 = (4!)^4 members; every nonzero difference lies in E.

# In[2]:

F = construct_valuation(16, 1, 2)
print(len(F), math.factorial(4) ** 4)
print(verify_strong_certificate(F, E_SET))


# Because the conflict graph of the complement is vertex transitive, a strong
# family yields n!/|C| as an upper bound.

# In[3]:

print(bounds.certificate_upper_bound(F, ComplementOf(E_SET)))
rE, rC = bounds.valuation_bounds(16)
print(rE)
print(rC)


# Larger n only need the formulas.

# In[4]:

for n in (64, 256, 4096):
    rE, _ = bounds.valuation_bounds(n)
    print(n, round(rE.log2_lower, 1), round(rE.log2_upper, 1))
