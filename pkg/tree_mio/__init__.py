from tree_mio import application, domain, infrastructure
from tree_mio.settings import settings

__all__ = ["settings", "application", "domain", "infrastructure"]
