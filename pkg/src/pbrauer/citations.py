"""Statement labels quoted in classification reports.

Kept in one table so a renumbering is a one-line fix here.
"""

CITATIONS = {
    "split_sequence": "Theorem 1.1(1)",
    "unipotent_part": "Theorem 1.1(2)",
    "t_from_hodge": "Theorem 1.1(3)",
    "exponent": "Remark 1.1",
    "ordinary": "Theorem 1.2",
    "surface_dual": "Theorem 1.3(1)",
    "surface_crew": "Theorem 1.3(2)",
    "enriques_odd": "Corollary 1.4(1)",
    "enriques_classical": "Corollary 1.4(2)",
    "enriques_nonclassical": "Corollary 1.4(3)",
    "abelian": "Theorem 1.5",
    "dlog": "Theorem 1.6",
    "ordinary_T": "Corollary 4.2",
    "ordinary_slopes": "Corollary 4.3",
    "ordinary_h3_free": "Corollary (ordinary, H^3 torsion-free)",
    "height_formula": "Corollary 4.4",
    "h3_free": "Proposition 4.5",
    "hom_lemma": "Lemma 4.6",
    "superspecial": "Proposition 4.7",
    "ekedahl": "Ekedahl's inequality",
    "k3_tate": "Tate conjecture for supersingular K3 surfaces",
}


def cite(key: str) -> str:
    return CITATIONS[key]
