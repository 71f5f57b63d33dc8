import json
import pathlib
import sys

import jsonschema

schema = json.loads(pathlib.Path(sys.argv[1]).read_text())
reports = sorted(pathlib.Path(sys.argv[2]).glob("*/report.json"))
if not reports:
    sys.exit("no reports found under " + sys.argv[2])
for path in reports:
    jsonschema.validate(json.loads(path.read_text()), schema)
    print("valid", path)
