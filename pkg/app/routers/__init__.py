from .commands import CommandError, add_commands, add_common_flags

__all__ = ["CommandError", "add_commands", "add_common_flags"]
