__author__ = "deltaalg developers"
__copyright__ = "2024, deltaalg developers"
__email__ = "deltaalg@users.noreply.github.com"
__license__ = "MIT"
__version__ = "0.1.0.dev1"
