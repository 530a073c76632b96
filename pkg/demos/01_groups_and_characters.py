"""Tour of the group layer: elements, characters, subgroups, annihilators.

Everything here is exact integer arithmetic; floats only appear when a
character is evaluated to a complex root of unity.
"""
import numpy as np

from equifred import (
    all_subgroups,
    annihilator,
    associated,
    char_eval,
    char_mul,
    character,
    characters_of_subgroup,
    dual_characters,
    make_group,
    restrict_character,
    subgroup_from_generators,
)

# A group is a product of cyclic factors; elements are reduced residue tuples.
G = make_group([4, 2])
print(f"Z_4 x Z_2 has {G.order} elements:")
print(" ", sorted(G.elements))

# Its dual group has the same order; characters are exponent tuples, and
# chi(g) = exp(2*pi*i * sum_j e_j g_j / n_j) evaluated with exact phase
# reduction, so characters of finite order are genuine roots of unity.
dual = dual_characters(G)
print(f"\nThe dual group also has {len(dual)} characters.")
chi = character(G, [1, 1])
g = (3, 1)
print(f"chi with exponents {chi.exponents} at {g} -> {char_eval(chi, g):+.3f}")
print("products of characters add exponents:",
      char_mul(chi, chi).exponents)

# The orthogonality relations hold to machine precision.
inner = sum(char_eval(chi, h) * np.conj(char_eval(character(G, [2, 0]), h))
            for h in G.elements) / G.order
print(f"<chi_(1,1), chi_(2,0)> = {abs(inner):.2e} (distinct characters are orthogonal)")

# Subgroups come from generators; the full lattice is enumerable.
H = subgroup_from_generators(G, [[2, 0]])
print(f"\nH = <(2,0)> = {H.elements}, order {H.order}")
print(f"Z_4 x Z_2 has {len(all_subgroups(G))} subgroups in total.")

# The annihilator of H is every parent character that is trivial on H;
# characters of H itself are annihilator cosets, named by their
# lexicographically least parent representative.
ann = annihilator(G, H)
print(f"annihilator of H: {sorted(c.exponents for c in ann)}")
for rho in characters_of_subgroup(G, H):
    values = ", ".join(f"{h} -> {rho.value(h):+.0f}" for h in H.elements)
    print(f"  character of H represented by {rho.representative.exponents}: {values}")

# Restriction sends a parent character to its H-character; 'associated'
# asks whether a parent character and an H-character agree on a common
# subgroup Gamma0 -- the comparison that drives everything downstream.
rho = restrict_character(character(G, [1, 0]), H)
print(f"\nchi_(1,0) restricted to H is represented by {rho.representative.exponents}")
for exps in ([1, 0], [3, 0], [0, 1]):
    alpha = character(G, exps)
    print(f"associated(alpha={exps}, rho, Gamma0=H) -> {associated(alpha, rho, H)}")
