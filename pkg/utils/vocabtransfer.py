import json
import logging

import numpy as np

from errors import CapacityError, DimensionMismatchError, EncodingFormatError
from models import TransferAssignment, TransferReport
from utils.subword import BPETrainer

logger = logging.getLogger(__name__)

MATCHED = 'matched'
REPLACED = 'replaced'


class VocabTransfer:
    """
    Fit a child subword vocabulary into a parent model's positions.

    Shared pieces keep the parent position; the rest are placed on parent
    positions nobody in the child claims, in the order of a PCG64
    permutation seeded by the caller.
    """

    @staticmethod
    def _permuted(positions, seed):
        rng = np.random.Generator(np.random.PCG64(seed))
        order = rng.permutation(len(positions))
        return [positions[i] for i in order]

    @staticmethod
    def transfer_vocab(parent, child, seed=0):
        if len(child) > len(parent):
            raise CapacityError(
                f'child vocabulary has {len(child)} pieces, parent only {len(parent)} positions')

        parent_positions = {}
        for position, piece in enumerate(parent.pieces):
            parent_positions.setdefault(piece, position)

        matched = {p: parent_positions[p] for p in child.pieces if p in parent_positions}
        claimed = set(matched.values())
        free = [pos for pos in range(len(parent)) if pos not in claimed]
        replaced = [p for p in child.pieces if p not in matched]
        drawn = iter(VocabTransfer._permuted(free, seed)[:len(replaced)])

        assignments = []
        for piece in child.pieces:
            if piece in matched:
                assignments.append(TransferAssignment(piece, matched[piece], MATCHED))
            else:
                assignments.append(TransferAssignment(piece, int(next(drawn)), REPLACED))

        report = TransferReport(
            assignments=assignments,
            matched_count=len(matched),
            replaced_count=len(replaced),
            unused_remaining=len(free) - len(replaced),
            seed=seed,
            parent_size=len(parent),
        )
        logger.info('Vocabulary transfer (seed %s): %d matched, %d replaced, %d parent positions left',
                    seed, report.matched_count, report.replaced_count, report.unused_remaining)
        return report

    @staticmethod
    def reuse_parent_vocab(parent, child_corpus):
        """
        Segment the child corpus with the parent vocabulary as is. Characters
        the parent cannot represent are listed as unmatched.
        """
        child_corpus = list(child_corpus)
        used = BPETrainer.pieces_used(child_corpus, parent)
        assignments = [TransferAssignment(piece, parent.id_of(piece), MATCHED) for piece in used]
        unmatched = BPETrainer.uncovered_characters(child_corpus, parent)
        if unmatched:
            logger.warning('%d characters of the child corpus are not covered by the parent vocabulary: %s',
                           len(unmatched), ' '.join(unmatched))
        return TransferReport(
            assignments=assignments,
            matched_count=len(assignments),
            replaced_count=0,
            unused_remaining=len(parent) - len({a.parent_position for a in assignments}),
            seed=None,
            parent_size=len(parent),
            unmatched=unmatched,
        )

    @staticmethod
    def patch_unseen_pieces(parent, report, seed=0):
        """Give the unmatched pieces of a reuse report random positions the child corpus does not use."""
        claimed = {a.parent_position for a in report.assignments}
        free = [pos for pos in range(len(parent)) if pos not in claimed]
        if len(report.unmatched) > len(free):
            raise CapacityError(
                f'{len(report.unmatched)} unseen pieces but only {len(free)} unused parent positions')
        drawn = VocabTransfer._permuted(free, seed)
        extra = [TransferAssignment(piece, int(pos), REPLACED)
                 for piece, pos in zip(report.unmatched, drawn)]
        return TransferReport(
            assignments=list(report.assignments) + extra,
            matched_count=report.matched_count,
            replaced_count=report.replaced_count + len(extra),
            unused_remaining=len(free) - len(extra),
            seed=seed,
            parent_size=report.parent_size,
        )

    # ------------------------------------------------------------------
    # Embeddings
    # ------------------------------------------------------------------

    @staticmethod
    def remap_embeddings(parent_rows, report):
        """Parent rows, unchanged, with the child piece -> row index map."""
        rows = np.asarray(parent_rows)
        if rows.ndim != 2 or rows.shape[0] != report.parent_size:
            raise DimensionMismatchError(
                f'embedding table has shape {rows.shape}, expected {report.parent_size} rows')
        return rows, report.child_map

    @staticmethod
    def child_embedding_matrix(parent_rows, report, child=None):
        """Rows gathered in child-id order (or assignment order without a child vocabulary)."""
        rows, child_map = VocabTransfer.remap_embeddings(parent_rows, report)
        pieces = child.pieces if child is not None else [a.child_piece for a in report.assignments]
        return rows[[child_map[p] for p in pieces]]

    @staticmethod
    def load_embeddings(path, binary=None):
        """
        Text format: header line `N D`, then one row of D numbers per line.
        Binary format: the same header line, then N*D little-endian float32.
        """
        if binary is None:
            binary = path.endswith('.bin')
        if binary:
            with open(path, 'rb') as handle:
                header = handle.readline().decode('ascii')
                n, d = VocabTransfer._parse_header(header)
                data = np.frombuffer(handle.read(), dtype='<f4')
            if data.size != n * d:
                raise DimensionMismatchError(f'header says {n}x{d} but file holds {data.size} values')
            return data.reshape(n, d).astype(np.float32)

        with open(path, encoding='utf-8') as handle:
            n, d = VocabTransfer._parse_header(handle.readline())
            rows = np.loadtxt(handle, dtype=np.float32, ndmin=2)
        if n == 0:
            rows = rows.reshape(0, d)
        if rows.shape != (n, d):
            raise DimensionMismatchError(f'header says {n}x{d} but file holds {rows.shape[0]}x{rows.shape[1]}')
        return rows

    @staticmethod
    def _parse_header(line):
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise EncodingFormatError(f'bad embedding header {line.strip()!r}, expected "N D"')
        return int(parts[0]), int(parts[1])

    @staticmethod
    def save_embeddings(rows, path, binary=None):
        rows = np.asarray(rows, dtype=np.float32)
        if rows.ndim != 2:
            raise DimensionMismatchError(f'embedding table must be 2-dimensional, got shape {rows.shape}')
        if binary is None:
            binary = path.endswith('.bin')
        header = f'{rows.shape[0]} {rows.shape[1]}\n'
        if binary:
            with open(path, 'wb') as handle:
                handle.write(header.encode('ascii'))
                handle.write(rows.astype('<f4').tobytes())
        else:
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write(header)
                np.savetxt(handle, rows, fmt='%.8g')

    # ------------------------------------------------------------------
    # Reports
    # ------------------------------------------------------------------

    @staticmethod
    def save_report(report, path):
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(report.to_dict(), handle, ensure_ascii=False, indent=1)

    @staticmethod
    def load_report(path):
        with open(path, encoding='utf-8') as handle:
            return TransferReport.from_dict(json.load(handle))
