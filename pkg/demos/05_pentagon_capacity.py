# coding: utf-8

# # Residue classes modulo 5 and the pentagon
#
# Label each value by its residue mod 5. Permutations that differ by 1 or 4
# mod 5 somewhere correspond to sequences over the pentagon that are adjacent
# somewhere, restricted to the residue type of 1..n.

# In[1]:

from gdperm import bounds
from gdperm.capacity import (
    QuotientGraph,
    capacity_profile,
    lift_to_permutations,
    project_to_residues,
    typed_max_clique,
)
from gdperm.perm_core import verify_family

C5 = QuotientGraph.cycle(5)
print(C5.spec, C5.distance_set().spec)


# Typed clique numbers and their rates, next to the Shannon capacity of C5.

# In[2]:

for row in capacity_profile(C5, range(1, 6)):
    print(row.n, row.omega, row.exact, f"{row.rate:.3f}", f"{bounds.PENTAGON_RATE:.3f}")


# Lifting a typed clique gives a verified permutation family; projecting
# it back returns the clique.

# In[3]:

res = typed_max_clique(C5, 4)
F = lift_to_permutations(res.clique_witness, C5, 4)
print(F.members)
print(verify_family(F, C5.distance_set()).ok)
print(sorted(project_to_residues(F, C5)) == sorted(map(tuple, res.clique_witness)))


# Without the type restriction, n = 2 reaches the familiar clique of size 5.

# In[4]:

print(typed_max_clique(C5, 2, typed=False).clique_size)
