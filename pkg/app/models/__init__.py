from app.models.dispersion import DispersionModel, PhotonTriplet
from app.models.superlattice import DesignSpec, DomainSequence, ElementKind
from app.models.spectrum import AngularMap, Channel, PhaseMismatchField, Spectrum
from app.models.instrument import InstrumentResponse
from app.models.analysis import CombStats, EnvelopeFit, Peak

__all__ = [
    "DispersionModel",
    "PhotonTriplet",
    "DesignSpec",
    "DomainSequence",
    "ElementKind",
    "AngularMap",
    "Channel",
    "PhaseMismatchField",
    "Spectrum",
    "InstrumentResponse",
    "CombStats",
    "EnvelopeFit",
    "Peak",
]
