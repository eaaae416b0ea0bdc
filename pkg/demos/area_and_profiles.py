# coding: utf-8

# # Van Kampen areas in Z^2

from palaut import dehn
from palaut.dehn import SearchBudget

z2 = dehn.load_presentation("gens: a b\nrel: a b a^-1 b^-1\n")

# [a^m, b^m] needs exactly m^2 cells.  A length cap of 4 * (area + 1) never
# prunes a useful state here, so the answers come back proven.

for m in range(1, 5):
    w = z2.word(f"a^{m} b^{m} a^-{m} b^-{m}")
    res = dehn.area(z2, w, SearchBudget(max_word_len=4 * (m * m + 1)))
    print(m, res.status, res.area, f"({res.states} states)")

# Every area comes with a certificate we can print and check.

res = dehn.area(z2, z2.word("a^2 b^2 a^-2 b^-2"))
print(dehn.dump_certificate(z2, res.certificate))
print("valid:", dehn.check_certificate(z2, z2.word("a^2 b^2 a^-2 b^-2"), res.certificate))

# A word with nonzero exponent sum is rejected outright.

print(dehn.is_null_homotopic(z2, z2.word("a b a^-1")).answer)

# Dehn function values for small n.  Quadratic growth shows up early.

print(dehn.profile_to_csv(dehn.dehn_profile(z2, 8)))

# The free group has nothing to fill.

free = dehn.load_presentation("gens: a b\n")
print(dehn.profile_to_csv(dehn.dehn_profile(free, 4)))
