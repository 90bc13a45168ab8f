from .finite import FiniteSystem, SystemFormatError, load_system, system_from_json
from .freegroup import FreeGroupSystem, fg_joiner, word_from_str, word_to_str
from .loader import instance_from_json, instance_to_json, load_instance
from .svk import SvKSystem, load_svk, svk_from_json, svk_joiner, z2_instance

__all__ = [
    "FiniteSystem",
    "FreeGroupSystem",
    "SvKSystem",
    "SystemFormatError",
    "fg_joiner",
    "instance_from_json",
    "instance_to_json",
    "load_instance",
    "load_svk",
    "load_system",
    "svk_from_json",
    "svk_joiner",
    "system_from_json",
    "word_from_str",
    "word_to_str",
    "z2_instance",
]
