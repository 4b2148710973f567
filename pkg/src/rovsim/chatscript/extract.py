"""Pull the script out of a raw model reply.

Replies usually wrap the script in a fenced code block, often with prose
around it and sometimes a language tag on the opening fence.  The first
complete fence wins; with no complete fence the whole reply is treated as
script source.  This never fails: malformed content simply parses badly
downstream, which is the safe failure mode.
"""

from __future__ import annotations

import re

_FENCE = re.compile(r"```(.*?)```", re.DOTALL)
_BARE_TAG = re.compile(r"^[A-Za-z0-9_+-]*$")


def extract_script(reply: str) -> str:
    """Return the source text of the first fenced block, or the trimmed reply."""
    match = _FENCE.search(reply)
    if match is None:
        return reply.strip()
    interior = match.group(1)
    first_line, newline, rest = interior.partition("\n")
    if newline and _BARE_TAG.match(first_line.strip()):
        # Opening-fence language tag (or empty line): not part of the script.
        interior = rest
    return interior.strip()
