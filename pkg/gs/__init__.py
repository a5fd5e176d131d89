from gs.parser import parse_file, parse_text
from gs.printer import Printer
