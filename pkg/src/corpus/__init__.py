from .certificate import Certificate, digest, jsonable
from .commands import COMMANDS, CONE_SOURCES, run_command, Settings, TRANSFORMS
from .document import canonical, load_document, load_mf, MFDocument, parse_document
from .items import corpus, corpus_item, cover_prime
from .runner import CERTIFIED, check_meta, corpus_run
