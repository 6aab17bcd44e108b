__version__ = '0.1.0'

from c3msv.gaussian import SqueezingConfig, c3msv_covariance
