"""Twisted q-Euler numbers, their zeta and l-functions, and p-adic fermionic integrals."""
