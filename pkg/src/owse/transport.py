"""HTTP fetch capability.

The crawler and indexer receive a transport object instead of talking to
the network directly, so tests can substitute recording or in-memory
transports. The real implementation is a thin requests wrapper with a
redirect limit and a response-body cap.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Protocol

import requests

from .errors import FetchError

USER_AGENT = "owse-crawler/1.0"
MAX_REDIRECTS = 5
BODY_CAP = 8 * 1024 * 1024  # bytes kept per document
_CHUNK = 65536


@dataclass
class FetchResponse:
    """Result of one HTTP GET."""

    url: str  # final URL after redirects
    status: int
    content_type: str
    body: bytes
    started_at: float = field(default_factory=time.monotonic)
    truncated: bool = False  # body hit the cap and was cut short


class Transport(Protocol):
    """Anything that answers an HTTP GET with a FetchResponse."""

    def get(self, url: str) -> FetchResponse: ...


class HttpTransport:
    """Real network transport backed by requests.

    Sessions are per-thread so concurrent crawl workers do not share
    connection state.
    """

    def __init__(self, timeout: float = 10.0, body_cap: int = BODY_CAP):
        self.timeout = timeout
        self.body_cap = body_cap
        self._local = threading.local()

    def _session(self) -> requests.Session:
        session = getattr(self._local, "session", None)
        if session is None:
            session = requests.Session()
            session.max_redirects = MAX_REDIRECTS
            session.headers["User-Agent"] = USER_AGENT
            self._local.session = session
        return session

    def get(self, url: str) -> FetchResponse:
        started = time.monotonic()
        try:
            response = self._session().get(url, timeout=self.timeout, stream=True)
        except requests.Timeout as exc:
            raise FetchError("timeout", str(exc)) from exc
        except requests.TooManyRedirects as exc:
            raise FetchError("too-many-redirects", str(exc)) from exc
        except requests.RequestException as exc:
            raise FetchError("connection", str(exc)) from exc

        body = b""
        truncated = False
        try:
            for chunk in response.iter_content(_CHUNK):
                body += chunk
                if len(body) > self.body_cap:
                    body = body[: self.body_cap]
                    truncated = True
                    break
        except requests.RequestException as exc:
            raise FetchError("read", str(exc)) from exc
        finally:
            response.close()

        return FetchResponse(
            url=response.url,
            status=response.status_code,
            content_type=response.headers.get("Content-Type", ""),
            body=body,
            started_at=started,
            truncated=truncated,
        )
