try:
    from ._revcone import (
        __version__,
        angular_eigs,
        breaking_threshold,
        dependence_criterion,
        exponent_report,
        find_ground_state,
        hardy_constant,
        measure_weight,
        moser_sequence,
        multiplicity_count,
        polar_to_st,
        run_cli,
        singular_hardy_bound,
        singular_hardy_constant,
        solve_radial,
        spherical_to_stt,
        st_to_polar,
    )
except ImportError:  # in-tree runs: the extension sits on sys.path, not in the package
    from _revcone import (
        __version__,
        angular_eigs,
        breaking_threshold,
        dependence_criterion,
        exponent_report,
        find_ground_state,
        hardy_constant,
        measure_weight,
        moser_sequence,
        multiplicity_count,
        polar_to_st,
        run_cli,
        singular_hardy_bound,
        singular_hardy_constant,
        solve_radial,
        spherical_to_stt,
        st_to_polar,
    )

__all__ = [
    "__version__",
    "angular_eigs",
    "breaking_threshold",
    "dependence_criterion",
    "exponent_report",
    "find_ground_state",
    "hardy_constant",
    "measure_weight",
    "moser_sequence",
    "multiplicity_count",
    "polar_to_st",
    "run_cli",
    "singular_hardy_bound",
    "singular_hardy_constant",
    "solve_radial",
    "spherical_to_stt",
    "st_to_polar",
]
