from .config import ShimConfig, load_shim_config
from .roles import RoleSet
from .server import create_app

__all__ = ["RoleSet", "ShimConfig", "create_app", "load_shim_config"]
