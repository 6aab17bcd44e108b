"""Covariance matrices of the coupled three-mode squeezed vacuum and symplectic algebra"""

from .squeezing import SqueezingConfig, MeanPhotonNumbers, mean_photon_numbers
from .covariance import (CovarianceMatrix, Partition, c3msv_covariance, sub_cm, schur_complement,
                         symplectic_eigenvalues, symplectic_form, is_bona_fide, random_symplectic,
                         c3msv_moment_matrices, cm_from_moments)
