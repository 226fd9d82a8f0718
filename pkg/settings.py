CLI_CONFIG = {
    # seed of the random elements fed to the meataxe (`--seed`)
    'SEED': 0,

    # candidate elements tried before a module split is declared undetermined (`--split-search-budget`)
    'SPLIT_SEARCH_BUDGET': 64,

    # level of the messages on stderr (`-v` switches to DEBUG)
    'LOG_LEVEL': 'WARNING',

    # line width of the YAML reports and documents
    'REPORT_WIDTH': 120,
}

# version of the written documents
DOCUMENT_VERSION = 1

# Load the production settings, overwrite the existing ones if needed
try:
    from settings_prod import *  # noqa
except ImportError:
    pass

CLI_CONFIG['DOCUMENT_VERSION'] = DOCUMENT_VERSION
