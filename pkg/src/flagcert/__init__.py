"""flagcert: exact verification of an odd-triple density lower bound.

The package re-derives, with exact arithmetic, every computational step of a
flag-algebra proof that Seidel-minimal graphs of edge density alpha have
odd-triple density at least (3/4)*alpha*(3 - sqrt(8*alpha + 1)), and
propagates that bound to the first selection lemma constant c_3 >= 0.07480.
An exhaustive search oracle over small Seidel-minimal graphs provides
empirical sanity envelopes.
"""

__version__ = "0.1.0"
