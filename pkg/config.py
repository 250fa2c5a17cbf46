"""Configuration constants for strip-tilings."""

# Logging configuration
# Console output goes to stderr; stdout is reserved for window/spec documents.
LOG_LEVEL = "WARNING"
LOG_BUFFER_SIZE = 200

# Ptolemy verification
# Above this many index tuples per identity family the report samples instead of enumerating.
PTOLEMY_TUPLE_CAP = 100_000
PTOLEMY_SAMPLE_SEED = 0

# Document output
DEFAULT_WINDOW_STYLE = "tsv"
WINDOW_STYLES = ("tsv", "ascii")

# Bundled fixtures
# The transcribed enough-ones window carries no coordinates; its top-left entry sits here.
SAMPLE_WINDOW_ANCHOR = (1, 1)
# The single-one window is filled from its seed cross, centred on the 1.
CROSS_WINDOW_CENTER = (0, 0)
CROSS_WINDOW_RADIUS = 5

# PNG rendering
PNG_CELL_SIZE = 28
PNG_BACKGROUND_COLOR = (255, 255, 255)
PNG_HIGHLIGHT_COLOR = (191, 208, 255)
PNG_GRID_COLOR = (200, 200, 200)
PNG_TEXT_COLOR = (0, 0, 0)

# Staircase search
# Bracketing searches along A_alpha give up past this many steps; only an invalid shift gets there.
STAIRCASE_SEARCH_LIMIT = 2**40
