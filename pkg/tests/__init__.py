import logging

logging.getLogger().setLevel("INFO")
