"""Normal ordering in Weyl (x) Clifford versus the star product.

Words in p, q, t are rewritten with q p -> p q - h and t t -> -(h/2) eps, then
moved to the symmetric basis.  The same words multiplied out with the star
product must land on the same element.
"""
import random

from superstar import Signature, Variable
from superstar.sampling import random_word
from superstar.weyl_clifford import iso_check, iterated_star, normal_order, pbw_order

sig = Signature(1, 1, 1)
p1, q1, t1, t2 = (Variable(k, i) for k, i in [("p", 1), ("q", 1), ("t", 1), ("t", 2)])

word = [q1, t2, p1, t2, q1]
print("word:", "*".join(map(str, word)))
print("PBW coordinates:   ", pbw_order(sig, word))
print("symmetric basis:   ", normal_order(sig, word))
print("iterated star:     ", iterated_star(sig, word))

# rewriting in a random order gives the same answer
rng = random.Random(1)
for _ in range(3):
    print("random strategy:   ", normal_order(sig, word, rng=rng))

w = random_word(rng, sig, 6)
print("\nrandom word", "*".join(map(str, w)), "->", normal_order(sig, w))

rep = iso_check(sig, max_length=4)
print(f"\nall {rep.checked} words of length <= 4: {len(rep.mismatches)} mismatches")
