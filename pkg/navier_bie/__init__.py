# navier_bie/__init__.py - Regularized combined-field BIE solver for 2D elastic scattering
__version__ = "1.0.0"
