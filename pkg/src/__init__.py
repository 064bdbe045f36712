"""
fregress: functional linear regression in reproducing kernel Hilbert spaces

Functional responses on a functional covariate and optional vector
covariates, with a ridge penalty on the operator, RKHS-norm penalties on
the covariate effects and a group lasso selecting among them.
"""

__version__ = "0.1.0"
