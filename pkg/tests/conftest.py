import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from asmlab import graph as dbg
from asmlab.sequence import DnaString, ReadSet
from asmlab.simulate import idealized_reads

# the running example: a genome with a repeat longer than 2*l - 2 for l = 3
G_TRUE = "AATTCCAGCTGATTCCAGT"
# shortest common superstring of its 3-length reads (length 16, unsupported junction)
G_SCS = "AATTCCAGCTGATAGT"
# shortest string passing the 2-mer containment constraint, still too short
G_SOL = "AATTCCAGCTGATGAGT"


@pytest.fixture(scope="session")
def g_true() -> DnaString:
    return DnaString(G_TRUE)


@pytest.fixture(scope="session")
def fig_reads() -> ReadSet:
    return idealized_reads(G_TRUE, 3)


@pytest.fixture(scope="session")
def fig_graph(fig_reads) -> dbg.DeBruijnGraph:
    return dbg.build(fig_reads, 3)
