from __future__ import annotations

import pytest

from hhnerve.exactla import FieldSpec
from hhnerve.fingroup import CORPUS, group_by_name

FIELDS = ("Q", "F2", "F3")


@pytest.fixture(params=CORPUS)
def corpus_group(request):
    return group_by_name(request.param)


@pytest.fixture(params=FIELDS)
def field(request):
    return FieldSpec.parse(request.param)
