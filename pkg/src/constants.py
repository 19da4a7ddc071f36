"""Application constants."""

APP_NAME = "popdyn"

# Version information
VERSION = "0.1.0"

# Experimental setups of the reference scenarios
FIG1_QUALITY = (0.3, 0.7, 0.5)
FIG_USERS = 20
FIG_INFLUENCERS = 3
FIG_EDGE_PROBABILITY = 0.2

PROTOCOLS = ("fig1", "fig2", "fig3", "custom")
WEIGHT_NAMES = ("alpha", "beta", "gamma")

# Largest exponent accepted by the closed-form power series
SERIES_MAX_ORDER = 20

# Unit lower bound checks on z(0) allow this much rounding slack
UNIT_BOUND_SLACK = 1e-12

# Attention values outside [0, 1] by less than this are rounding noise
BOX_SLACK = 1e-12

STATE_CSV_HEADER = ("t", "user", "influencer", "x")
POPULARITY_CSV_HEADER = ("t", "influencer", "pi")
TOTALS_CSV_HEADER = ("t", "user", "z")

CSV_FLOAT_FORMAT = ".17g"
