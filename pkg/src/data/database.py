"""Certificate and witness ledger on DuckDB."""

import duckdb
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional
from datetime import datetime

from .formats import format_assignment, to_json, witness_record
from .models import Certificate, WitnessReport, Word

logger = logging.getLogger(__name__)


class CertificateStore:
    """Persists decider certificates and witnesses keyed by the word's canonical cyclic key."""

    def __init__(self, db_path: str = "data/certificates.db"):
        self.db_path = Path(db_path)
        if str(db_path) != ":memory:":
            self.db_path.parent.mkdir(parents=True, exist_ok=True)

        self.conn = duckdb.connect(str(db_path))
        self._create_tables()

    def _create_tables(self):
        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS certificates (
                word_key TEXT PRIMARY KEY,
                word TEXT NOT NULL,
                verdict TEXT NOT NULL,
                degree INTEGER NOT NULL,
                shift INTEGER,
                half TEXT,
                sym_var TEXT,
                comparisons BIGINT NOT NULL,
                record TEXT NOT NULL,
                created_at TIMESTAMP
            )
        """)
        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS witnesses (
                word_key TEXT NOT NULL,
                word TEXT NOT NULL,
                kind TEXT NOT NULL,
                claim TEXT NOT NULL,
                dimension INTEGER NOT NULL,
                seed BIGINT,
                trials_used BIGINT NOT NULL,
                eigenvalue_re DOUBLE,
                eigenvalue_im DOUBLE,
                assignment TEXT NOT NULL,
                record TEXT NOT NULL,
                created_at TIMESTAMP
            )
        """)
        self.conn.commit()

    def save_certificate(self, w: Word, cert: Certificate) -> bool:
        """Insert or replace the certificate of w's cyclic class."""
        from ..core.decider import certificate_record
        from ..core.words import canonical_key, format_word

        record = certificate_record(w, cert)
        try:
            self.conn.execute("""
                INSERT OR REPLACE INTO certificates
                (word_key, word, verdict, degree, shift, half, sym_var, comparisons, record, created_at)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            """, (
                canonical_key(w), format_word(w), cert.verdict.value, cert.degree,
                cert.shift, record["half"], record["sym_var"], cert.comparisons,
                to_json(record), datetime.now(),
            ))
            self.conn.commit()
            return True
        except Exception as e:
            logger.error(f"Failed to store certificate for {format_word(w)!r}: {e}")
            return False

    def get_certificate(self, w: Word) -> Optional[Dict]:
        """Stored record for w or any cyclic shift of it."""
        from ..core.words import canonical_key

        try:
            row = self.conn.execute(
                "SELECT word, record FROM certificates WHERE word_key = ?", (canonical_key(w),)
            ).fetchone()
            if row:
                record = json.loads(row[1])
                record["word"] = row[0]
                return record
            return None
        except Exception as e:
            logger.error(f"Failed to read certificate: {e}")
            return None

    def save_witness(self, w: Word, report: WitnessReport) -> bool:
        from ..core.words import canonical_key, format_word

        try:
            self.conn.execute("""
                INSERT INTO witnesses
                (word_key, word, kind, claim, dimension, seed, trials_used,
                 eigenvalue_re, eigenvalue_im, assignment, record, created_at)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            """, (
                canonical_key(w), format_word(w), report.kind.value, report.claim, report.dimension,
                report.seed, report.trials_used,
                float(report.offending_eigenvalue.real), float(report.offending_eigenvalue.imag),
                format_assignment(w, report.assignment), to_json(witness_record(w, report)), datetime.now(),
            ))
            self.conn.commit()
            return True
        except Exception as e:
            logger.error(f"Failed to store witness for {format_word(w)!r}: {e}")
            return False

    def get_witnesses(self, w: Word) -> List[Dict]:
        from ..core.words import canonical_key

        try:
            rows = self.conn.execute("""
                SELECT word, assignment, record FROM witnesses
                WHERE word_key = ?
                ORDER BY created_at
            """, (canonical_key(w),)).fetchall()
            out = []
            for word, assignment, record in rows:
                entry = json.loads(record)
                entry["word"] = word
                entry["assignment_text"] = assignment
                out.append(entry)
            return out
        except Exception as e:
            logger.error(f"Failed to read witnesses: {e}")
            return []

    def get_status(self) -> Dict[str, int]:
        """Row counts, per verdict for certificates."""
        try:
            status = {"certificates": 0, "witnesses": 0}
            for verdict, count in self.conn.execute(
                "SELECT verdict, COUNT(*) FROM certificates GROUP BY verdict ORDER BY verdict"
            ).fetchall():
                status[verdict] = count
                status["certificates"] += count
            status["witnesses"] = self.conn.execute("SELECT COUNT(*) FROM witnesses").fetchone()[0]
            return status
        except Exception as e:
            logger.error(f"Failed to read store status: {e}")
            return {}

    def close(self):
        if self.conn:
            self.conn.close()
