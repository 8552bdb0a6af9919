"""Natural-deduction proof objects, checking, and axiom schemes."""

from hotk.proofkit.checker import (ProofObject, ProofStep, ProofVerdict,
                                   check_proof, load_proof, loads_proof)
from hotk.proofkit.fixtures import (FixtureReport, FixtureResult, load_fixture,
                                    verify_fixture_suite)
from hotk.proofkit.schemes import (AXIOM_AVAILABILITY, axiom_instance,
                                   comprehension, fjt_comprehension,
                                   identity_scheme, sttd_comprehension)

__all__ = [
    "ProofObject", "ProofStep", "ProofVerdict", "check_proof", "load_proof",
    "loads_proof", "FixtureReport", "FixtureResult", "load_fixture",
    "verify_fixture_suite", "AXIOM_AVAILABILITY", "axiom_instance",
    "comprehension", "fjt_comprehension", "identity_scheme",
    "sttd_comprehension",
]
