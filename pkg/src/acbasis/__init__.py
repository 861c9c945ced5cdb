"""Boolean circuits over the antichain basis: synthesis, lower-bound certificates, exhaustive search."""
from .antichain import AntichainFunction, enumerate_antichains, is_antichain, layer_function
from .adversary import (ChainCertificate, check_certificate, run_majority_adversary,
                        run_parity_adversary)
from .circuit import Circuit, Gate, Wire, evaluate, reduce, truth_table, validate
from .cube import BitTuple, Subcube
from .synth import (LayerPlan, build_layered_parity_circuit, build_majority_circuit,
                    build_parity_circuit, build_symmetric_circuit)

__version__ = "0.1.0"
