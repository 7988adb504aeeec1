from coherence_fraction_sdk.utils.serialization import (
    channel_from_dict,
    channel_to_dict,
    density_from_dict,
    density_to_dict,
    load_channel,
    load_state,
    save_channel,
    save_json,
    save_state,
)

__all__ = [
    "channel_from_dict",
    "channel_to_dict",
    "density_from_dict",
    "density_to_dict",
    "load_channel",
    "load_state",
    "save_channel",
    "save_json",
    "save_state",
]
