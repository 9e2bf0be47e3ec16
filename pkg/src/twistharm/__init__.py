"""twistharm: exact and numerical harmonic analysis for twisted convolutions on C^n.

Subpackages by concern:

- laguerre:       Laguerre polynomials/functions, generalized degree, norms
- rootisolation:  certified real-root isolation (Sturm) for the zero scans
- polynomials:    bigraded polynomials z^alpha zbar^beta with exact coefficients
- harmonics:      bigraded solid harmonics H_{p,q}, bases, sphere coefficients
- weyl:           exact Gaussian-polynomial engine and ladder operators
- quadrature:     Gauss-Legendre, radial, and sphere rules
- gridfn:         sampled grid functions with binary serialization
- twisted:        twisted convolution / spherical mean numerics and checks
- typefunc:       radial-profile x harmonic "type" test functions
- expansion:      spectral projections, their expansion, injectivity experiments
- cli:            verification and experiment command line front end
"""

__version__ = "0.1.0"
