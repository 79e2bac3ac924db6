from .commandline_utils import get_argparser_from_func, add_subcommand
