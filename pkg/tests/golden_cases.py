"""CLI invocations whose JSON reports are frozen under tests/golden/."""

CASES = {
    "gl2_validate": ["gl2", "validate"],
    "gl2_codims": ["gl2", "codims"],
    "gl2_singular_1": ["gl2", "singular-locus", "--level", "1"],
    "gl2_blowup_1": ["gl2", "blowup", "--level", "1"],
    "gl2_smooth_1": ["gl2", "smooth", "--level", "1"],
    "gl2_fiber_origin": ["gl2", "fiber", "--level", "1", "--point", "origin"],
    "gl2_fiber_regular": ["gl2", "fiber", "--level", "1", "--point", "regular"],
    "gl2_limit_diag": ["gl2", "limit", "--level", "1", "--curve", "diag"],
    "gl2_containment_mixed": ["gl2", "containment", "--level", "1", "--curve", "mixed"],
    "gl2_compat_X12_1": ["gl2", "compat", "--level", "1", "--vf", "X12", "--section", "X12"],
    "gl2_linear_lift_X12_1": ["gl2", "linear-lift", "--level", "1", "--vf", "X12", "--section", "X12"],
    "gl2_syzygy_d2": ["gl2", "syzygy", "--matrix", "d2"],
    "gl2_isotropy_scalar": ["gl2", "isotropy", "--point", "scalar"],
    "euler2_codims": ["euler2", "codims"],
    "euler3_codims": ["euler3", "codims"],
    "euler2_blowup_0": ["euler2", "blowup", "--level", "0"],
    "euler2_lift_E": ["euler2", "lift", "--level", "0", "--chart", "1", "--vf", "E"],
    "vanishing2_blowup_1": ["vanishing2", "blowup", "--level", "1"],
    "vanishing2_limit_slope2": ["vanishing2", "limit", "--level", "1", "--curve", "slope2"],
    "vanishing2_isotropy_origin": ["vanishing2", "isotropy", "--point", "0,0"],
    "vanishing2_moody": ["vanishing2", "moody", "--ideal", "maximal", "--ideal", "square"],
    "koszul_validate": ["koszul", "validate"],
    "koszul_blowup_2": ["koszul", "blowup", "--level", "2"],
    "so3_smooth_1": ["so3", "smooth", "--level", "1"],
    "so3_lift_H1_x": ["so3", "lift", "--level", "1", "--chart", "x", "--vf", "H1"],
    "so3_bivector_x": ["so3", "lift-bivector", "--level", "1", "--chart", "x", "--bv", "P"],
    "along_phi2_smooth_0": ["along_phi2", "smooth", "--level", "0"],
    "along_phi3_smooth_0": ["along_phi3", "smooth", "--level", "0"],
}


def argv(name):
    return CASES[name] + ["--format", "json"]
