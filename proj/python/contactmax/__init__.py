"""Contact forms, Hodge stars and time-harmonic Maxwell verification."""

from ._core import (
    DegreeError,
    DomainError,
    Error,
    Expression,
    KForm,
    MetricError,
    MetricField,
    ParseError,
    PreconditionError,
    SampleSet,
    SchemaError,
    UnknownIdentifierError,
    beltrami_factor,
    build_beta,
    builtin_scenarios,
    check_adapted,
    contact_defect,
    curl,
    exterior_derivative,
    flat,
    hodge,
    linear_combine,
    maxwell_residuals,
    parse,
    rescale_to_factor,
    run_scenario,
    sharp,
    verify_theorem1,
    volume_form,
    wedge,
)

__version__ = "0.1.0"
