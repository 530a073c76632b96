"""Induced representations and Frobenius reciprocity, numerically.

A character of a subgroup induces up to the full group; for abelian groups
the induction contains exactly the parent characters that restrict back to
it, each once.  Reciprocity is then exhibited on random representations:
the two hom spaces have equal dimension and the explicit map between them
sends a basis to a linearly independent set.
"""
import numpy as np

from equifred import (
    SubgroupCharacter,
    character,
    character_rep,
    decompose,
    dual_characters,
    frobenius_hom_map,
    induce,
    intertwiner_basis,
    make_group,
    random_rep,
    restrict_character,
    restrict_rep,
    subgroup_from_generators,
)

G = make_group([6])
H = subgroup_from_generators(G, [[2]])  # {0, 2, 4}, index 2
print(f"G = Z_6, H = {H.elements} (index {G.order // H.order})")

# Induce the H-character represented by exponent 2 of the parent.
rho = SubgroupCharacter(H, character(G, [2]))
ind = induce(character_rep(rho), G)
print(f"\nInd_H^G of the character represented by {rho.representative.exponents} "
      f"has dimension {ind.dim}")

mults = {chi.exponents: m for chi, m in decompose(ind).entries}
print("its isotypical decomposition:")
for chi in dual_characters(G):
    got = mults.get(chi.exponents, 0)
    matches = restrict_character(chi, H) == rho
    marker = "  <- restricts to rho" if matches else ""
    print(f"  chi_{chi.exponents}: multiplicity {got}{marker}")

# Frobenius reciprocity on random representations: dim Hom_H(Res W, V)
# equals dim Hom_G(W, Ind V), where both sides are computed by solving the
# commutation linear systems independently.
rng = np.random.default_rng(7)
W = random_rep(G, 3, rng)       # a representation of G
V = random_rep(H, 2, rng)       # a representation of H
down = intertwiner_basis(restrict_rep(W, H), V)
up = intertwiner_basis(W, induce(V, G))
print(f"\nrandom W (dim 3 over G), V (dim 2 over H):")
print(f"  dim Hom_H(Res W, V) = {len(down)}")
print(f"  dim Hom_G(W, Ind V) = {len(up)}")

# The explicit correspondence maps each H-map to a G-map into the induction;
# stacking the images shows the map is injective on the basis.
images = [frobenius_hom_map(f, W, V) for f in down]
stacked = np.array([im.reshape(-1) for im in images])
rank = np.linalg.matrix_rank(stacked) if len(images) else 0
print(f"  the correspondence sends the basis to {rank} independent G-maps")
