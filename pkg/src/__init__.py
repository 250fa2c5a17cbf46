"""strip-tilings - SL2-tilings and triangulations of the strip."""
