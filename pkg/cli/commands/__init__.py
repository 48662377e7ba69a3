from . import estimate, make_twin, rho_check, simulate


__all__ = ["estimate", "make_twin", "rho_check", "simulate"]
