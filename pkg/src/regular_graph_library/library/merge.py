"""Isomorphism deduplication within and across sources."""

import logging
from dataclasses import replace

from regular_graph_library.canon import DedupIndex
from regular_graph_library.core import ConfigMismatchError
from regular_graph_library.generators import Source
from regular_graph_library.library.models import BinnedSample, BinOverlap, SampleEntry

logger = logging.getLogger(__name__)

_GENERATORS = frozenset({Source.WM, Source.CC})


def _empty_like(sample: BinnedSample) -> BinnedSample:
    return BinnedSample(n=sample.n, k=sample.k, assigner=sample.assigner)


def dedup_sample(sample: BinnedSample) -> BinnedSample:
    """Keep the first graph of every isomorphism class, preserving order."""
    index: DedupIndex[None] = DedupIndex()
    result = _empty_like(sample)
    for entry in sample.entries():
        if index.insert(entry.graph):
            result.add(replace(entry))
    logger.debug("Dedup n=%d: %d -> %d graphs", sample.n, len(sample), len(result))
    return result


def merge_and_dedup(
    wm: BinnedSample,
    cc: BinnedSample,
    closure: BinnedSample | None = None,
) -> BinnedSample:
    """Union the generator samples and keep one graph per isomorphism class.

    Entries of ``wm`` come first, then ``cc``, then ``closure``. A class found
    more than once keeps its first entry, with ``sources`` listing every
    source that produced it. Per-bin WM-only, CC-only and overlap counts
    consider the two generators only; classes that only the swap closure
    reached are counted as closure-only.

    Raises:
        ConfigMismatchError: If the samples differ in n, k or bin count.
    """
    extra: list[BinnedSample] = [] if closure is None else [closure]
    for other in (cc, *extra):
        if (wm.n, wm.k, wm.assigner.bin_count) != (other.n, other.k, other.assigner.bin_count):
            raise ConfigMismatchError(
                "cannot merge samples built with different parameters",
                {
                    "wm": {"n": wm.n, "k": wm.k, "bins": wm.assigner.bin_count},
                    "other": {
                        "n": other.n,
                        "k": other.k,
                        "bins": other.assigner.bin_count,
                    },
                },
            )

    index: DedupIndex[SampleEntry] = DedupIndex()
    merged = _empty_like(wm)
    for entry in [*wm.entries(), *cc.entries(), *(e for s in extra for e in s.entries())]:
        stored, created = index.setdefault(entry.graph, replace(entry))
        assert stored.payload is not None
        if created:
            merged.add(stored.payload)
        else:
            stored.payload.sources = stored.payload.sources | entry.sources

    for bin_index, entries in sorted(merged.bins.items()):
        counts = BinOverlap(bin_index=bin_index)
        for entry in entries:
            generators = entry.sources & _GENERATORS
            if generators == {Source.WM}:
                counts.wm_only += 1
            elif generators == {Source.CC}:
                counts.cc_only += 1
            elif generators:
                counts.overlap += 1
            else:
                counts.closure_only += 1
        merged.overlap[bin_index] = counts

    logger.info(
        "Merged n=%d: %d WM + %d CC + %d closure -> %d classes (%d found by both generators)",
        wm.n,
        len(wm),
        len(cc),
        sum(len(s) for s in extra),
        len(merged),
        sum(o.overlap for o in merged.overlap.values()),
    )
    return merged
