from .data_parser import parse_presentation, read_presentation, representation_from_json, representation_to_json
from .data_generator import load_config, exact_torus_representation, sample_case11_points, save_to_csv
