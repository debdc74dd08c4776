"""News article records and their JSONL wire format."""

from __future__ import annotations

import datetime as dt
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from ..errors import InputError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewsArticle:
    id: str
    date: dt.date
    title: str
    body: str
    source: str = ""

    @property
    def text(self) -> str:
        return f"{self.title}\n{self.body}" if self.title else self.body


def read_news_jsonl(path) -> list[NewsArticle]:
    """One JSON object per line: {"id","date","title","body","source"}.

    Exact id collisions keep the first occurrence and are logged; anything
    else malformed is an error naming the line.
    """
    articles: list[NewsArticle] = []
    seen: set[str] = set()
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                article = NewsArticle(
                    id=str(obj["id"]),
                    date=dt.date.fromisoformat(obj["date"]),
                    title=obj.get("title", ""),
                    body=obj["body"],
                    source=obj.get("source", ""),
                )
            except (KeyError, ValueError, TypeError) as exc:
                raise InputError(f"{path}: line {line_no}: bad article record ({exc})") from exc
            if article.id in seen:
                log.warning("%s: line %d: duplicate article id %r dropped", path, line_no, article.id)
                continue
            seen.add(article.id)
            articles.append(article)
    return articles


def write_news_jsonl(path, articles) -> None:
    with open(path, "w") as fh:
        for a in articles:
            fh.write(json.dumps({
                "id": a.id, "date": a.date.isoformat(), "title": a.title,
                "body": a.body, "source": a.source,
            }, sort_keys=True) + "\n")


def write_jsonl(path, records: list[dict]) -> None:
    Path(path).write_text("".join(json.dumps(r, sort_keys=True) + "\n" for r in records))


def read_jsonl(path) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]
