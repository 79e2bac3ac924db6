from .serialization_utils import convert_json, format_record, dump_record, load_record
