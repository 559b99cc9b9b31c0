from delextra.conll.io import open_treebank, save_treebank
from delextra.parsing.mira import train_mira
from delextra.parsing.model import open_model, write_model
from delextra.parsing.parser import parse_treebank


def train_file(filename, language='', **options):
    """Train a parser model on the treebank stored in ``filename``"""
    return train_mira(open_treebank(filename, language), **options)


def parse_file(model_filename, filename, output_filename):
    model = open_model(model_filename)
    save_treebank(parse_treebank(model, open_treebank(filename)), output_filename)
