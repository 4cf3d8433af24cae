"""Library operations keyed by dotted path, each mapped to the one subcommand that exposes it."""

OP_REGISTRY: dict[str, str] = {
    # graph core
    "pgraph.graph.degree": "model-check",
    "pgraph.graph.boundary": "model-check",
    "pgraph.graph.is_connected": "model-check",
    "pgraph.adapter.persistence.graph_files.load_graph": "energy",
    "pgraph.adapter.persistence.graph_files.dump_graph": "model-check",
    # operators
    "pgraph.operators.phi_p": "apply",
    "pgraph.operators.gradient": "apply",
    "pgraph.operators.edge_flux": "apply",
    "pgraph.operators.divergence": "apply",
    "pgraph.operators.p_laplacian": "apply",
    "pgraph.operators.schroedinger_apply": "apply",
    "pgraph.operators.greens_residual": "apply",
    "pgraph.operators.classify": "hardy",
    # energy
    "pgraph.energy.energy": "energy",
    "pgraph.energy.bracket": "energy",
    "pgraph.energy.simplified_energy": "gsr",
    "pgraph.energy.simplified_energy_1": "gsr",
    "pgraph.energy.simplified_energy_2": "gsr",
    "pgraph.energy.simplified_energy_3": "gsr",
    "pgraph.energy.gsr_check": "gsr",
    "pgraph.energy.corollary_bounds_check": "gsr",
    "pgraph.energy.picone_residual": "picone",
    # inequalities
    "pgraph.inequalities.ineq2_sides": "ineq-scan",
    "pgraph.inequalities.ineq1_check": "ineq-scan",
    "pgraph.inequalities.ineq1_grid": "ineq-scan",
    "pgraph.inequalities.ineq34_check": "ineq-scan",
    "pgraph.inequalities.ineq34_grid": "ineq-scan",
    "pgraph.inequalities.ptriangle_check": "ineq-scan",
    "pgraph.inequalities.ineq5_constants": "ineq-scan",
    "pgraph.inequalities.ineq5_check": "ineq-scan",
    "pgraph.inequalities.ineq5_grid": "ineq-scan",
    "pgraph.inequalities.lindqvist_constant": "ineq-scan",
    "pgraph.inequalities.lindqvist_check": "ineq-scan",
    "pgraph.inequalities.lindqvist_grid": "ineq-scan",
    "pgraph.inequalities.constant_cp": "ineq-scan",
    "pgraph.inequalities.calibrated_upper_constant": "ineq-scan",
    "pgraph.inequalities.scan_equivalence": "ineq-scan",
    # criticality
    "pgraph.criticality.capacity.capacity": "capacity",
    "pgraph.criticality.null_sequence.null_sequence_search": "null-seq",
    "pgraph.criticality.null_sequence.ground_state_trend": "null-seq",
    "pgraph.criticality.null_sequence.criticality_verdict": "null-seq",
    "pgraph.criticality.null_sequence.assess_criticality": "null-seq",
    "pgraph.criticality.comparison.proper_subset_check": "null-seq",
    "pgraph.criticality.comparison.gsr_criticality_transfer": "null-seq",
    "pgraph.criticality.hardy.hardy_witness": "hardy",
    "pgraph.criticality.harnack.harnack_constant": "harnack",
    "pgraph.criticality.harnack.harnack_verify": "harnack",
    "pgraph.criticality.harnack.strict_positivity_check": "harnack",
    "pgraph.criticality.comparison.liouville_check": "liouville",
    # models
    "pgraph.models.nat_line": "model-check",
    "pgraph.models.int_line": "model-check",
    "pgraph.models.grid2d": "model-check",
    "pgraph.models.weighted_line": "model-check",
    "pgraph.models.star": "model-check",
    "pgraph.models.complete": "model-check",
    "pgraph.models.hardy_u": "model-check",
    "pgraph.models.alpha_seq": "model-check",
    "pgraph.models.gsr_display_check": "model-check",
}
