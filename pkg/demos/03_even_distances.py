# coding: utf-8

# # Even distances and their complement
#
# With D the even numbers, the hookup family (even permutations of the odd
# values plus a placeholder, with the evens spliced in) gives a lower bound.
# Pairs of swap orbits give the upper bound.

# In[1]:

from gdperm import bounds
from gdperm.constructions import construct_even_positions, construct_hookup
from gdperm.distance_sets import EVENS, ComplementOf
from gdperm.solver import solve_T

for n in range(2, 11):
    rep = bounds.hookup_bounds(n)
    print(n, rep.lower.value, rep.upper.value)


# Exact values for small n sit inside the sandwich.

# In[2]:

for n in range(2, 6):
    print(n, solve_T(n, EVENS).clique_size, len(construct_hookup(n)))


# For the odd distances the answer is exactly the middle binomial; the
# construction fixes which positions carry even values.

# In[3]:

F = construct_even_positions(5)
print(len(F))
print(F.members)
print(solve_T(5, ComplementOf(EVENS)).clique_size)


# Split strength: how far T(n,D) T(n,not D) is from n!, per position.

# In[4]:

est = bounds.split_strength(4, bounds.bound_report(4, EVENS), bounds.bound_report(4, ComplementOf(EVENS)))
print(est)
