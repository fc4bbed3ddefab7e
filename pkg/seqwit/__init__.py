from .fan import accumulates_at_apex, excluding_neighborhood, kernel_certificate, neighborhood_contains
from .functions import discontinuous_at_apex, evaluate, in_witness_family
from .sequences import converges_to_apex, is_injective, modify_prefix, term
from .sets import in_ip, intersection_class, member
from .suites import SuiteConfig, run_suite
from .testsets import find_fan_witness, is_test_set_relative
