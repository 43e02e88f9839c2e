"""Validate a diagnostics JSON file against the shipped schema."""
import json
import sys

import jsonschema

schema_path, doc_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
with open(doc_path) as f:
    doc = json.load(f)
jsonschema.Draft202012Validator(schema).validate(doc)
print(f"{doc_path}: valid")
