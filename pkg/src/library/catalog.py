import re
from library.methods import M3Family, REGISTRY_CLASSES


# Names of closed-form family members, e.g. "M3(3,4,K=0.5)".
FAMILY_NAME_RE = re.compile(r'^M3\(3,4,K=([^)]+)\)$')


class MethodCatalog:
    def __init__(self):
        self.methods = {}

    def addMethodsByClass(self, *method_classes):
        """
        method_classes: One or more concrete subclasses of MethodRecord.
        """
        for method_class in method_classes:
            method = method_class()
            self.addMethod(method)

    def addMethod(self, method):
        """
        Adds a method to the catalog.

        method (MethodRecord): A method instance to add to the catalog.
        """
        self.methods[method.id] = method

    def getCatalogEntries(self, published_only=True):
        """
        Returns a list of method id/name/order pairings.

        published_only: If True, only return methods with the "publish" flag
            set.
        """
        ml = []
        for key, method in self.methods.items():
            if published_only and not method.publish:
                continue
            ml.append({
                'id': key, 'name': method.name,
                'order': method.claimed_order, 'cts': method.claimed_cts
            })

        # Sort by order, then by name.
        ml.sort(key=lambda item: (item['order'], item['name'].lower()))

        return ml

    def _familyMember(self, method_id):
        m = FAMILY_NAME_RE.match(method_id)
        if m is None:
            return None

        try:
            k = float(m.group(1))
        except ValueError:
            raise KeyError(f'Invalid method name: "{method_id}"')

        if not k > 0:
            raise KeyError(f'Invalid method name: "{method_id}"')

        return M3Family(k)

    def getMethod(self, method_id):
        if method_id in self.methods:
            return self.methods[method_id]

        member = self._familyMember(method_id)
        if member is None:
            raise KeyError(f'Invalid method name: "{method_id}"')

        return member

    def __contains__(self, method_id):
        return (
            method_id in self.methods
            or FAMILY_NAME_RE.match(method_id) is not None
        )

    def __getitem__(self, method_id):
        return self.getMethod(method_id)


def default_catalog():
    """
    Returns a MethodCatalog with all built-in methods.
    """
    mc = MethodCatalog()
    mc.addMethodsByClass(*REGISTRY_CLASSES)

    return mc
