import argparse
import inspect

import docstring_parser


def flag_name(arg_name, rename=None):
    """ Command line flag of a function argument: ``max_degree`` becomes ``--max-degree``. """
    if rename is not None and arg_name in rename:
        return '--' + rename[arg_name]
    return '--' + arg_name.replace('_', '-')


def get_argparser_from_func(func, parser, exclude=None, rename=None):
    """ Read the argument of a function and parse it as ArgumentParser. """
    if parser is None:
        parser = argparse.ArgumentParser(formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    signature = inspect.signature(func)
    docstring = docstring_parser.parse(inspect.getdoc(func) or '')

    # transform docstring.params to dictionary
    params = {p.arg_name: p.description for p in docstring.params}

    if exclude is None:
        exclude = []

    exclude = list(exclude) + ['self', 'cls', 'args', 'kwargs']

    for k, v in signature.parameters.items():
        if k in exclude:
            continue
        flag = flag_name(k, rename)
        if v.default is inspect.Parameter.empty:
            arg_type = v.annotation if v.annotation != inspect.Signature.empty else str
            parser.add_argument(flag, dest=k, type=arg_type, help=params.get(k, ' '), required=True)
        else:
            if isinstance(v.default, bool):
                if not v.default:
                    action = 'store_true'
                else:
                    action = 'store_false'
                parser.add_argument(flag, dest=k, action=action, help=params.get(k, ' '))
            else:
                if v.default is not None:
                    arg_type = type(v.default)
                elif v.annotation != inspect.Signature.empty:
                    # get from annotation
                    arg_type = v.annotation
                else:
                    raise ValueError(
                        f'Argument with default value None must be annotated with type in {func}, {k}, {v.annotation}')
                parser.add_argument(flag, dest=k, type=arg_type, default=v.default, help=params.get(k, ' '))
    return parser


def add_subcommand(subparsers, name, func, rename=None):
    """ Register ``func`` as subcommand ``name``; its signature and docstring become the subparser. """
    docstring = docstring_parser.parse(inspect.getdoc(func) or '')
    parser = subparsers.add_parser(name, help=docstring.short_description,
                                   description=docstring.short_description,
                                   formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    get_argparser_from_func(func, parser=parser, rename=rename)
    parser.set_defaults(_func=func)
    return parser
