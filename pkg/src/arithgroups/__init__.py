"""Exact-arithmetic toolkit for matrix groups over rings of S-integers.

Submodules:
    rings        coefficient rings (Q, Z/m, F_p, F_{p^f})
    poly         dense univariate polynomials, gcd, factorization mod p, Sturm
    matrix       exact dense matrices over any supported ring
    numberfield  Q[x]/(m), Dedekind splitting of primes, Chebotarev scans
    padics       truncated p-adic integers and Hensel lifting
    mpoly        sparse multivariate polynomials in matrix coordinates
    groups       group presentations, tangent spaces, restriction of scalars
    congruence   reduction maps, finite closures, surjectivity scans
    density      unipotent one-parameter subgroups, Ad-span density evidence
    cli          command-line front end
"""

__version__ = "0.1.0"
