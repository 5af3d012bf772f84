"""
Matching remnants to their correspondents
=========================================

"""

import numpy as np
from gapping import align, brute_force_align, data_path, load_table, phrase_vector

# a small 16-dimensional table where people, objects and places sit on separate axes
table = load_table(data_path("toy_en.txt"))
print(table.dim, "dims,", len(table), "words")

mary, john = phrase_vector(["Mary"], table), phrase_vector(["John"], table)
flowers, books = phrase_vector(["flowers"], table), phrase_vector(["books"], table)
print("Mary-John    ", np.linalg.norm(mary - john).round(2))
print("Mary-books   ", np.linalg.norm(mary - books).round(2))

# "John bought books, and Mary flowers": line up G = [Mary, flowers] with F = [John, books]
G = [("Mary", mary, "PROPN"), ("flowers", flowers, "NOUN")]
F = [("John", john, "PROPN"), ("books", books, "NOUN")]


def score(g, f):
    s = -np.linalg.norm(g[1] - f[1])
    return s if g[2] == f[2] else s - 2.0


al = align(G, F, score, gap_penalty=-4.0)
for gi, fi in al.pairs:
    print(G[gi][0], "<->", F[fi][0])
print("score", round(al.score, 3))

# the exhaustive search agrees
print(brute_force_align(G, F, score, -4.0) == al)

# when nothing fits, leaving both unaligned (2 * -1) beats a bad pair (-5)
print(align([0], [0], lambda g, f: -5.0, -1.0))
